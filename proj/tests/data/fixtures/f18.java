import java.util.*;
public class Main {
    private static boolean valid(int value, int d) {
        return value % d == 0;
    }

  public static int calc(int[] a, int d) {
    int best = a[0];
    for (int cur : a) {
      if (cur>best)
        best = cur;
    }
    int rem=a.length;
    int count=0;
    while (rem>0) {
      rem/=2;
      count+=1;
    }
    int acc = 0;
    for (int x : a) {
      if (valid(x, d)) {
        acc+=x;
      }
    }
    return best+count + acc;
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int d = sc.nextInt();
    int[] a = new int[n];
    for (int q = 0; q < n; q++) a[q] = sc.nextInt();
    System.out.println(calc(a, d));
  }
}
